package com.fixture.sm04_benign;

import android.app.Activity;
import android.content.ComponentName;
import android.content.Intent;

public class SenderActivity extends Activity {
    private static final String RECEIVER_PERMISSION = "com.fixture.permission.PING";

    void open() {
        startActivity(new Intent(this, DetailActivity.class));
    }

    void targeted() {
        Intent i = new Intent("com.fixture.action.SHOW");
        i.setPackage(getPackageName());
        startActivity(i);
    }

    void component() {
        Intent c = new Intent();
        c.setComponent(new ComponentName("com.fixture.sm04_benign", "com.fixture.sm04_benign.DetailActivity"));
        startActivity(c);
    }

    void protectedBroadcast() {
        sendBroadcast(new Intent("com.fixture.action.PING"), RECEIVER_PERMISSION);
    }
}
