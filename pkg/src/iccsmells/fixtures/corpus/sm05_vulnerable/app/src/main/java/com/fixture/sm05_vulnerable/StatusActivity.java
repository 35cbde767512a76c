package com.fixture.sm05_vulnerable;

import android.app.Activity;
import android.content.Intent;

public class StatusActivity extends Activity {
    void publish() {
        Intent status = new Intent(this, StatusActivity.class);
        sendStickyBroadcast(status);
    }

    void clear(Intent status) {
        removeStickyBroadcast(status);
    }
}
