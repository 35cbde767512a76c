package com.fixture.sm07_benign;

import android.app.Activity;
import android.content.Intent;

public class ClientActivity extends Activity {
    void sync() {
        startService(new Intent(this, SyncService.class));
    }
}
