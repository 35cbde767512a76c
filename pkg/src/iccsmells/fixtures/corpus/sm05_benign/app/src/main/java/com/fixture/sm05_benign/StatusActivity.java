package com.fixture.sm05_benign;

import android.app.Activity;
import android.content.Intent;

public class StatusActivity extends Activity {
    void publish() {
        Intent status = new Intent(this, StatusActivity.class);
        sendBroadcast(status);
    }
}
